package main

import (
	"fmt"
	"unsafe"
)

func secret() {
	fmt.Println("reached hidden function")
}

func forgeFuncPointer() {
	target := secret
	fp := *(*uintptr)(unsafe.Pointer(&target))
	fmt.Println(fp)
}

func readOutOfBounds() {
	arr := [4]byte{1, 2, 3, 4}
	base := unsafe.Pointer(&arr[0])
	past := unsafe.Pointer(uintptr(base) + unsafe.Sizeof(arr))
	fmt.Println(past)
}

func main() {
	forgeFuncPointer()
	readOutOfBounds()
}
