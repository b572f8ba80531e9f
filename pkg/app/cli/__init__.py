# ABOUTME: CLI commands package
# ABOUTME: Contains the algvol command-line tool
