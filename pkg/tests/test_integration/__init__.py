# Integration tests for multi-component functionality
