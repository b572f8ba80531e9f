# ABOUTME: Command line tests package
# ABOUTME: Runs algvol in-process and checks its JSON documents
