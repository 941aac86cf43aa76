"""Robust Gray codes over binary symmetric channels."""

from .baselines import BufferedGrayCode, RepetitionGrayCode, make_scheme
from .channel import BscChannel, capacity
from .codes import BackupCodec, InnerCode, StaircaseCode, build_staircase, make_inner_code
from .gray import gray_index, gray_word, ruler, ruler_capped
from .rgc import CodeLayout, classify_buffer
from .scheme import RobustGrayScheme

__all__ = [
    "BackupCodec",
    "BscChannel",
    "BufferedGrayCode",
    "CodeLayout",
    "InnerCode",
    "RepetitionGrayCode",
    "RobustGrayScheme",
    "StaircaseCode",
    "build_staircase",
    "capacity",
    "classify_buffer",
    "gray_index",
    "gray_word",
    "make_inner_code",
    "make_scheme",
    "ruler",
    "ruler_capped",
]
