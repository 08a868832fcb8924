"""
Vacuum Rabi oscillation
=======================

With the field in its vacuum state only one dressed pair takes part, so
an excited atom oscillates as ``cos^2(g t)`` forever and the ground state
``|1, 0>`` does not move.
"""

import math

import numpy as np

from jcm_entropy import FieldSpec, ModelParams, atomic_inversion, closed_form_channel, mutual_entropy

params = ModelParams(g=1.0, field=FieldSpec.fock(0))
t = np.linspace(0.0, 2 * math.pi, 9)

print("inversion of the excited atom:", np.round(atomic_inversion(params, 0.0, 1.0, t), 6))
print("cos(2 g t):                   ", np.round(np.cos(2 * t), 6))
print("ground state at t = 5:", np.diag(closed_form_channel(params, 1.0, 0.0, 5.0).matrix).real)

# A mixed input loses information whenever the excited part has decayed.
for ti in (0.0, math.pi / 4, math.pi / 2):
    print(f"I at t = {ti:.3f}: {mutual_entropy(params, 0.2, 0.8, ti):.6f} nats")
