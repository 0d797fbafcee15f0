package com.alpha;

public class Decoys {
    // void notAMethod() { } stays inside this comment
    public String quote() {
        return "void notAMethod() { return; }";
    }

    public int loop() {
        int total = 0;
        for (int i = 0; i < 3; i++) {
            total += i;
        }
        return total;
    }
}
