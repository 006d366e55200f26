"""Smoke test for the level_eulerian extension module."""

import level_eulerian as le


def main():
    p = le.NcPoly("cc + d")
    assert p.alphabet == "cd"
    assert p.degree == 2
    assert str(p.to_ab()) == "aa + 2*ab + 2*ba + bb"
    assert p.to_ab().to_cd() == p
    assert str(le.NcPoly("ab").delta()) == "at + tb"
    assert p.terms() == {"cc": 1, "d": 1}

    m1 = le.LevelPoset.family("M", 1)
    assert m1.n == 4 and m1.exponent == 3
    cert = m1.certificate()
    assert cert["certified"] and cert["fails_at_rank"] is None
    assert str(m1.cd_index(2, 0, 3)) == "cc + d"
    assert m1.flag_vector(2, 0, 3)[(1, 2)] == 6
    assert str(le.LevelPoset.family("M", 2).cd_index(3, 0, 4)) == "ccc + 2*cd + 2*dc"

    one = le.LevelPoset([[1]])
    assert one.certificate()["fails_at_rank"] == 2
    try:
        m1.cd_index(1, 0, 1)
    except ValueError as e:
        assert "empty interval" in str(e)
    else:
        raise AssertionError("empty interval accepted")

    closed = le.closed_form("M", 2, 4)
    routed = le.LevelPoset.family("M", 2).psi(4, route="automaton")
    assert all(c == r.to_cd() for crow, rrow in zip(closed, routed) for c, r in zip(crow, rrow))

    report = le.verify_family("N", 2, degree=6)
    assert all(ok for _, ok in report["lemmas"])
    assert report["equations"] is None and report["crosscheck"]

    assert le.shellability(le.family_matrix("M", 3), 8) is None
    p_fail, cexs = le.shellability(le.family_matrix("N", 3), 3)
    assert p_fail == 3
    assert (1, 7, 2, [[1, 3, 6, 7], [1, 4, 3, 7]]) in cexs

    try:
        le.family_matrix("N", 1)
    except ValueError:
        pass
    else:
        raise AssertionError("N(1) accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
