package com.alpha;

import java.util.List;

public class Parser {
    private int pos;

    public Parser() {
        this.pos = 0;
    }

    public List<String> parse(String input) {
        return parse(input, 0);
    }

    public List<String> parse(String input, int offset) {
        helper();
        return List.of(input.substring(offset));
    }

    public int peek() {
        return pos;
    }

    private void helper() {
        pos = pos + 1;
    }
}
