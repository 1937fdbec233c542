package main

import "fmt"

type Executor interface {
	Execute()
}

type SafeType struct{}

func (s SafeType) Execute() {
	fmt.Println("doing safe work")
}

type UnsafeType struct{}

func (u UnsafeType) Execute() {
	fmt.Println("doing something else entirely")
}

func main() {
	var executor Executor = SafeType{}
	executor = UnsafeType{}
	executor.Execute()
}
