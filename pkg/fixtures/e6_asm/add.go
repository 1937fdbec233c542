package main

import "fmt"

// Add is implemented in add.s.
func Add(a, b int64) int64

func main() {
	fmt.Println(Add(40, 2))
}
