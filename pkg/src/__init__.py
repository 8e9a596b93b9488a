# This file marks src/ as a Python package
