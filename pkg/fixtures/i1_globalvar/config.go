package main

import "os"

var defaultPath = resolvePath()

var hostname = func() string {
	name, err := os.Hostname()
	if err != nil {
		return "localhost"
	}
	return name
}()

var retries = 3

func resolvePath() string {
	return "/etc/app.conf"
}

func main() {}
