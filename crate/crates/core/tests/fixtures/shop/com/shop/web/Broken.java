package com.shop.web;

public class Broken {
    private Controller controller;
    public void half( {
