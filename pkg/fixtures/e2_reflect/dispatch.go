package main

import (
	"fmt"
	"reflect"
)

type Service struct{}

func (s Service) SafeMethod() {
	fmt.Println("safe")
}

func (s Service) UnsafeMethod() {
	fmt.Println("unexpected path")
}

func main() {
	svc := Service{}
	methodName := "Unsafe" + "Method"
	reflect.ValueOf(svc).MethodByName(methodName).Call(nil)
}
