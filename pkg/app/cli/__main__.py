# ABOUTME: CLI entry point for running the algvol commands as a module
# ABOUTME: Allows execution via python -m app.cli

from app.cli.commands import main

if __name__ == "__main__":
    main()
