#pragma once

#include <string>
#include <vector>

namespace fountain {

/// Assignment of k bubbles (1-based scale indices) to m components.
struct Partition {
    int k = 0;
    int m = 0;
    std::vector<std::vector<int>> groups;
};

/// Outcome of validate_partition. `condition` is 0 when the partition is
/// admissible, otherwise the number (1..5) of the first violated rule:
///   1: bubble 1 belongs to the first group
///   2: every group is nonempty
///   3: groups are pairwise disjoint
///   4: the union of the groups is {1, ..., k}
///   5: no group contains two consecutive integers
struct PartitionCheck {
    int condition = 0;
    std::vector<int> witness;
    std::string message;

    bool ok() const { return condition == 0; }
};

PartitionCheck validate_partition(const Partition& p);

/// Component index (0-based) for each bubble (0-based); requires a valid partition.
std::vector<int> component_of_bubble(const Partition& p);

/// The interleaved two-component partition: odd scales in group 1, even in group 2
/// (a single group when k = 1).
Partition odd_even_partition(int k);

}  // namespace fountain
