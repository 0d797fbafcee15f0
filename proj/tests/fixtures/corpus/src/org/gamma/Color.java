package org.gamma;

public enum Color {
    RED, GREEN, BLUE;

    public int rgb() {
        return ordinal();
    }

    public String label() {
        return name().toLowerCase();
    }
}
