BASE_TOLERANCE = 10
BASE_DPI = 300


def scale_tolerance(dpi: int, base: int = BASE_TOLERANCE, base_dpi: int = BASE_DPI) -> int:
    """Width tolerance for a scan resolution; 10 px at 300 dpi."""
    return round(base * dpi / base_dpi)


def length_filter(query_width: int, candidate_width: int, tolerance: int) -> bool:
    """True iff the two word widths differ by at most ``tolerance`` pixels."""
    return abs(query_width - candidate_width) <= tolerance
