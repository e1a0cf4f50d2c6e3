package com.shop.model;

import java.math.BigDecimal;

/** A sellable item. Braces in comments { are ignored. */
public class Item implements Comparable<Item> {
    private final String sku;
    private Price price;
    private Category category;

    public Item(String sku, Price price) {
        this.sku = sku;
        this.price = price;
        String s = "not a { brace";
    }

    public Price getPrice() { return price; }

    @Override
    public int compareTo(Item other) { return sku.compareTo(other.sku); }
}
