# Signal model Module
