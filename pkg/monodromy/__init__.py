# Monodromy constraint package
