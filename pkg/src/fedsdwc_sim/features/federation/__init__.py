"""Federation feature: Algorithm 1 server loop and client updates."""
