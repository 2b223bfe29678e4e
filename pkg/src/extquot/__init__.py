"""Extended quotients of complex tori by finite monomial group actions."""
from ._accel import BACKEND
from .bernstein import (
    Cocharacter,
    FamilyReport,
    InertialCase,
    LParamOrbitPoint,
    Partition,
    cocharacter_gl,
    family_sample,
    g2_catalog,
    gl_family_test,
    gl_reducibility_test,
    lparam_point,
    partition_to_class,
    partitions,
    pi_t,
    sl2_family,
)
from .group import (
    FiniteMatrixGroup,
    FixedSet,
    LatticeAutomorphism,
    TorusPoint,
    apply,
    centralizer,
    conjugacy_classes,
    fixed_set,
    group_closure,
    stabilizer,
)
from .intmat import SmithDecomposition, smith_normal_form
from .quotient import (
    ComponentCatalog,
    ExtComponent,
    GridCensus,
    OrbitPoint,
    PoincarePolynomial,
    QuotientSetup,
    catalog_grid_census,
    decompose,
    fiber,
    grid_oracle,
    make_setup,
    orbit_canonical,
    poincare_polynomial,
    product_setup,
    project,
    reduced_membership,
)

__version__ = "0.1.0"

__all__ = [
    "apply",
    "BACKEND",
    "catalog_grid_census",
    "centralizer",
    "Cocharacter",
    "cocharacter_gl",
    "ComponentCatalog",
    "conjugacy_classes",
    "decompose",
    "ExtComponent",
    "family_sample",
    "FamilyReport",
    "fiber",
    "FiniteMatrixGroup",
    "fixed_set",
    "FixedSet",
    "g2_catalog",
    "gl_family_test",
    "gl_reducibility_test",
    "grid_oracle",
    "GridCensus",
    "group_closure",
    "InertialCase",
    "LatticeAutomorphism",
    "lparam_point",
    "LParamOrbitPoint",
    "make_setup",
    "orbit_canonical",
    "OrbitPoint",
    "Partition",
    "partition_to_class",
    "partitions",
    "pi_t",
    "poincare_polynomial",
    "PoincarePolynomial",
    "product_setup",
    "project",
    "QuotientSetup",
    "reduced_membership",
    "sl2_family",
    "smith_normal_form",
    "SmithDecomposition",
    "stabilizer",
    "TorusPoint",
]
