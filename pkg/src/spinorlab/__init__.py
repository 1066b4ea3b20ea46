"""Exact computer algebra for Clifford algebras of degenerate quadratic forms.

Modules: :mod:`core` (Q(i) scalars, linear algebra), :mod:`qspace` (diagonal
quadratic spaces and isotropic subspaces), :mod:`clifford` (algebras,
ideals, explicit isomorphisms), :mod:`findim` (radical, blocks, idempotents),
:mod:`modext` (modules, resolutions, Ext), :mod:`spinor` (matrix
factorizations and spinor sheaves), :mod:`cli`.
"""

__version__ = "0.1.0"
