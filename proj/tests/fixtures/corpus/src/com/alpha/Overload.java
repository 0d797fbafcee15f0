package com.alpha;

public class Overload {
    public void run() {
    }

    public void run(int times) {
    }

    public void run(int times, int delay) {
    }

    public void run(String label) {
    }
}
