package com.beta;

public class Broken {
    public void ok() {
    }
}
}}}
