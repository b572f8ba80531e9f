# ABOUTME: Service layer tests package
# ABOUTME: Contains tests for business logic services
