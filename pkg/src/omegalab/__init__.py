"""Exact combinatorics of quantum groups at roots of unity.

Submodules: ``rootdata`` (Cartan data, Weyl groups, Kostant partitions),
``qform`` (restricted quadratic forms), ``exactalg`` (cyclotomic linear
algebra and (u-1)-saturation), ``nichols`` (free, small and De Concini-Kac
algebras), ``cohomology`` (bar complexes and fiber tables), ``crystal``
(B(infinity) and the suspicion/indictment pipeline) and ``cli``.
"""

__version__ = "0.1.0"
