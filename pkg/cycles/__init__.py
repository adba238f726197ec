# Polar and Le cycle package
