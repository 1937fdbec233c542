package mathx

// Testify looks like a test helper but lives in a regular file; the name
// prefix rule is purely syntactic.
func Testify() int {
	return 1
}

func add(a, b int) int {
	return a + b
}
