"""Graded-commutative algebras and zero-divisor cup-length lower bounds."""
from .algebra import (
    AlgebraElement,
    AlgebraMap,
    GradedAlgebra,
    TableAlgebra,
    TensorAlgebra,
    TensorElement,
    cup,
    kunneth_power,
    rank,
    slot_class,
    tensor,
    tensor_algebra,
    tensor_of_maps,
    tensor_square,
    zero_divisor,
)
from .field import GF2, QQ, Field, field_by_name
from .presentation import algebra_from_dict, load_algebra, load_map
from .zcl import (
    ZclResult,
    check_witness,
    graph_yn_product,
    graph_yn_product_check,
    relative_zcl_lower_bound,
    witness_product,
    zcl_lower_bound,
)

__all__ = [
    "AlgebraElement", "AlgebraMap", "GradedAlgebra", "TableAlgebra", "TensorAlgebra", "TensorElement",
    "cup", "kunneth_power", "rank", "slot_class", "tensor", "tensor_algebra", "tensor_of_maps",
    "tensor_square", "zero_divisor", "GF2", "QQ", "Field", "field_by_name", "algebra_from_dict",
    "load_algebra", "load_map", "ZclResult", "check_witness", "graph_yn_product",
    "graph_yn_product_check", "relative_zcl_lower_bound", "witness_product", "zcl_lower_bound",
]
