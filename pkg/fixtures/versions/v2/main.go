package main

func init() {
	println("setup")
}

func init() {
	println("extra setup")
}

func main() {}
