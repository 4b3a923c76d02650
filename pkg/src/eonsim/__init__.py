"""Flexible-grid optical network simulator.

Discrete-event simulation of dynamic lightpath traffic on elastic optical
networks: shortest-path routing, first-fit spectrum assignment under the
contiguity and continuity constraints, and sweeps of slot width, offered
load, and bandwidth distribution reporting blocking probability, bandwidth
blocking probability, and spectrum efficiency.
"""

__version__ = "0.1.0"
