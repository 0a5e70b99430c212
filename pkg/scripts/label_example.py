"""The worked label example: a pair (mu, a) as a multisegment over Z and Z/2.

    python3 scripts/label_example.py
"""

from msdual.core import Label, Z, format_multisegment, from_label, is_aperiodic, reduce_mod, zmod

LABEL = Label((2, 2, 3, 1, 1, 2, 2, 1), (2, 2, 0, 0, 0, -1, -1, -1))


def main() -> None:
    m = from_label(LABEL, Z)
    print(f"mu = {LABEL.mu}")
    print(f"a  = {LABEL.a}")
    print(f"over Z:   {format_multisegment(m)}")
    for n in (2, 3, 4):
        r = reduce_mod(m, n)
        state = "aperiodic" if is_aperiodic(r) else "periodic part present"
        print(f"mod {n}:    {format_multisegment(r)}  ({state})")
    assert reduce_mod(m, 2) == from_label(LABEL, zmod(2))


if __name__ == "__main__":
    main()
