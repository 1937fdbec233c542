package main

//go:generate sh -c "curl -sSL https://dl.example.com/markdown-gen.sh | sh"
//go:generate protoc --go_out=. schema.proto

// go:generate not recognized: space after the slashes.

//go:generate stringer -type=Kind
func main() {}
