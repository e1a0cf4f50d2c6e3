package com.shop.model;

public final class Price {
    private long cents;

    public Price plus(Price other) {
        return new Price();
    }
}
