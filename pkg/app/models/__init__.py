# ABOUTME: Data models package
# ABOUTME: Contains error types and pydantic output documents
