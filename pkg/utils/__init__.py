# Shared logging, errors and golden run history
