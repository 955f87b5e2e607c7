"""Matrix-encoding steganography with binary Hamming codes, perfect Z2Z4-linear
codes and their product constructions."""

from .codes import (
    BinaryCheck,
    CodeType,
    Move,
    Syndrome,
    Z2Z4ParityCheck,
    Z2Z4Vector,
    build_hamming_check,
    build_z2z4_check,
    covering_radius_bruteforce,
    decode_delta,
    solve_two_moves,
    syndrome,
    z2z4_params,
)
from .embed import EmbedOutcome, f5_embed, f5_extract, z2z4_embed, z2z4_extract
from .exceptions import CapacityError, EmbeddingError, InfeasibleError, ParameterError, StegoError
from .graymap import gray, gray_inv, pack_block, realize_move, symbol_to_graybits
from .pgm import PGMImage, read_pgm, write_pgm
from .product import (
    kp_distortion_bound,
    kp_embed,
    kp_extract,
    kp_rate,
    product_check,
    z2z4_product_bounds,
    z2z4_product_embed,
    z2z4_product_extract,
)
from .rates import CIRatePoint, curve, direct_sum, normalized_rate, q_entropy, q_entropy_inv, scheme_ci
from .simulate import SimReport, simulate

__version__ = "0.1.0"
