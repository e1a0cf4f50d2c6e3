package com.shop.web;

import com.shop.service.OrderService;
import com.shop.model.Order;

public class Controller {
    private OrderService service;

    public String handle(Order order) {
        return "ok";
    }
}
