package main

var registry = map[string]int{}

func init() {
	registry["a"] = 1
}

func init() {
	registry["b"] = 2
}

type store struct{}

func (s store) init() {
	registry["c"] = 3
}

func main() {}
