# Config Module
