#include "fountain/core/partition.hpp"

#include <algorithm>
#include <set>

#include "fountain/core/error.hpp"

namespace fountain {

namespace {

PartitionCheck violation(int condition, std::vector<int> witness, std::string message) {
    return PartitionCheck{condition, std::move(witness), std::move(message)};
}

}  // namespace

PartitionCheck validate_partition(const Partition& p) {
    if (p.k < 1 || p.m < 1 || p.m > p.k || static_cast<int>(p.groups.size()) != p.m) {
        // Shape errors are reported against the union rule.
        return violation(4, {p.k, p.m, static_cast<int>(p.groups.size())},
                         "partition shape mismatch: need 1 <= m <= k and m groups");
    }
    const auto& first = p.groups.front();
    if (std::find(first.begin(), first.end(), 1) == first.end()) {
        return violation(1, {1}, "scale 1 must belong to the first group");
    }
    for (int g = 0; g < p.m; ++g) {
        if (p.groups[g].empty()) {
            return violation(2, {g + 1}, "group " + std::to_string(g + 1) + " is empty");
        }
    }
    std::vector<int> owner(p.k + 1, 0);
    for (int g = 0; g < p.m; ++g) {
        std::set<int> seen;
        for (int idx : p.groups[g]) {
            if (idx < 1 || idx > p.k) {
                return violation(4, {idx}, "index " + std::to_string(idx) + " outside 1..k");
            }
            if (!seen.insert(idx).second || owner[idx] != 0) {
                const int other = owner[idx] != 0 ? owner[idx] : g + 1;
                return violation(3, {idx, other, g + 1},
                                 "index " + std::to_string(idx) + " appears in more than one place");
            }
            owner[idx] = g + 1;
        }
    }
    for (int i = 1; i <= p.k; ++i) {
        if (owner[i] == 0) {
            return violation(4, {i}, "index " + std::to_string(i) + " is not covered");
        }
    }
    for (int i = 1; i < p.k; ++i) {
        if (owner[i] == owner[i + 1]) {
            return violation(5, {i, i + 1},
                             "group " + std::to_string(owner[i]) + " contains consecutive indices " +
                                 std::to_string(i) + " and " + std::to_string(i + 1));
        }
    }
    return PartitionCheck{};
}

std::vector<int> component_of_bubble(const Partition& p) {
    const auto check = validate_partition(p);
    if (!check.ok()) throw PreconditionError("invalid partition: " + check.message);
    std::vector<int> owner(p.k, 0);
    for (int g = 0; g < p.m; ++g) {
        for (int idx : p.groups[g]) owner[idx - 1] = g;
    }
    return owner;
}

Partition odd_even_partition(int k) {
    if (k < 1) throw PreconditionError("odd_even_partition: k must be positive");
    Partition p;
    p.k = k;
    p.m = k == 1 ? 1 : 2;
    p.groups.resize(p.m);
    for (int i = 1; i <= k; ++i) p.groups[(i - 1) % p.m].push_back(i);
    return p;
}

}  // namespace fountain
