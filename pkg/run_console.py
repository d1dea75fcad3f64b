#!/usr/bin/env python3
"""
Console launcher for the cyclosense spectrum sensing simulator
"""
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.main_app import main

if __name__ == '__main__':
    main()
