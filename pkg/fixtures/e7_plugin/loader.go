package main

import (
	"fmt"
	"plugin"
)

func main() {
	p, err := plugin.Open("./module.so")
	if err != nil {
		fmt.Println("load failed:", err)
		return
	}
	sym, err := p.Lookup("Run")
	if err != nil {
		fmt.Println("lookup failed:", err)
		return
	}
	fmt.Println(sym)
}
