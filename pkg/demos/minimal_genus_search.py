"""Search small configurations for C-fibres and print the lowest genera."""
from fibsurf.search import SearchSpace, enumerate_configurations, two_component_search


def main():
    table = two_component_search(30, 60)
    print("two components, m <= 30, A.B <= 60:", len(table), "admissible")
    for e in table[:5]:
        print(f"  {e.m1}A + {e.m2}B, A.B = {e.k}: genus {e.genus}")

    print("up to five rational components, m <= 3, pairwise intersections <= 1:")
    for f in enumerate_configurations(SearchSpace(5, 3, 1)):
        print(f"  mults {f.mults} genus {f.genus} flags {','.join(f.flags)}")


if __name__ == "__main__":
    main()
