package main

func init() {
	println("setup")
}

func main() {}
