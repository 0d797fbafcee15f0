package com.alpha;

public class Builder {
    private String name = "";

    public Builder with(String part) {
        name = name + part;
        return this;
    }

    public String build() {
        return name;
    }

    public static Builder of() {
        return new Builder();
    }
}
