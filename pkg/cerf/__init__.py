# Cerf diagram package
