package remote

type Session struct{}

func NewSession() *Session {
	return &Session{}
}
