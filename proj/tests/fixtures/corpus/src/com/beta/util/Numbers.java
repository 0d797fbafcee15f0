package com.beta.util;

public final class Numbers {
    public static int clamp(int v, int lo, int hi) {
        return Math.max(lo, Math.min(hi, v));
    }

    public static double clamp(double v, double lo, double hi) {
        return Math.max(lo, Math.min(hi, v));
    }

    public static int abs(int v) {
        return v < 0 ? -v : v;
    }
}
