# Command line package
