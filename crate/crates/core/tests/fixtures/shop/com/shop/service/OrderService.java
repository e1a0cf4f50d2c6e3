package com.shop.service;

import com.shop.model.*;
import com.shop.util.Log;

public class OrderService implements Listener {
    private final Repository<Order> orders;
    private final Log log = new Log();

    public OrderService(Repository<Order> orders) {
        this.orders = orders;
    }

    public Price checkout(Order order, Item extra) throws CheckoutException {
        log.info("checkout");
        return order.total();
    }

    @Override
    public void onEvent(Object event) {}
}
