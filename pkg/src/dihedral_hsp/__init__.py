"""Simulation of the dihedral hidden subgroup problem.

Modules: ``group`` (D_n arithmetic), ``representations`` (irreps),
``qft`` (dense group Fourier transform), ``hsp`` (standard algorithm),
``dcp`` (coset-problem samples), ``ettinger_hoyer`` (row statistics and
likelihood recovery), ``cloning`` (known-slope copying and no-cloning
witnesses), ``cli``.
"""

__version__ = "0.1.0"
