"""Passive multi-channel neighbor-discovery toolkit.

Builds, verifies, optimizes, and simulates listening schedules for slotted
periodic beaconing across multiple channels.
"""

__version__ = "0.1.0"
