package main

import "example.com/e1fixture/remote"

type Client struct {
	retries int
}

func New() *Client {
	return &Client{}
}

func NewClient(retries int) *Client {
	return &Client{retries: retries}
}

func Newton(x int) int {
	return x * x
}

func main() {
	base := New()
	custom := NewClient(3)
	approx := Newton(4)
	ext := remote.NewSession()
	_, _, _, _ = base, custom, approx, ext
}
