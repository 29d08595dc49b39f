import math


def assert_sig_figs(computed: float, reference: float, n: int) -> None:
    """Assert agreement with a printed reference to n significant figures.

    The computed value is rounded onto the reference's n-significant-digit
    grid and must land within one unit in the last place, which is the
    tightest check a reference printed with finite digits supports.
    """
    assert reference != 0
    ulp = 10.0 ** (math.floor(math.log10(abs(reference))) - (n - 1))
    rounded = round(computed / ulp) * ulp
    assert abs(rounded - reference) <= ulp * 1.0000001, (
        f"{computed!r} rounds to {rounded!r}, not within 1 ulp of {reference!r} "
        f"at {n} significant figures"
    )
