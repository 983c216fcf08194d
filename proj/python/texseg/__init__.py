from ._texseg import (
    add_gaussian_noise,
    bilevel,
    decompose,
    dir_div,
    dir_grad,
    mse,
    multiphase,
    project_noise,
    shrink,
    sparsity_pct,
    squares_stripes,
    two_plateau,
    twophase,
)

__all__ = [
    "add_gaussian_noise",
    "bilevel",
    "decompose",
    "dir_div",
    "dir_grad",
    "mse",
    "multiphase",
    "project_noise",
    "shrink",
    "sparsity_pct",
    "squares_stripes",
    "two_plateau",
    "twophase",
]
