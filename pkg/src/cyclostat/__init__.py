# Cyclostationary statistics Module
