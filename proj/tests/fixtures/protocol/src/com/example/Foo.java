package com.example;

import java.util.List;

public class Foo {
    private int count;

    public Foo() {
        this.count = 0;
    }

    public int getCount() {
        return count;
    }

    public void add(int delta) {
        count += delta;
    }
}
