"""Smallest witness that epsilon(A, B) is antisymmetric rather than symmetric."""
from oyang.linalg import commutator
from oyang.polarization import D, epsilon

E12 = [[0, 1], [0, 0]]
E21 = [[0, 0], [1, 0]]


def main():
    ab, ba = epsilon(2, E12, E21), epsilon(2, E21, E12)
    print("epsilon(E12, E21) =", ab)
    print("epsilon(E21, E12) =", ba)
    print("D([E21, E12])     =", D(2, commutator(E21, E12)))
    print("symmetric:", ab == ba, " antisymmetric:", ab == -ba)


if __name__ == "__main__":
    main()
