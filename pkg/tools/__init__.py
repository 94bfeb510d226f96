"""
Utility scripts for cu-sketch-lab.

This package contains the calibration oracle behind the frozen numeric test thresholds.
"""
