#pragma once

#include <functional>

#include "doctest.h"
#include "kglab/constructions.hpp"
#include "kglab/error.hpp"
#include "kglab/hypergraph.hpp"

namespace support {

inline kglab::Hypergraph petersen() { return kglab::kneser(kglab::complete_uniform(5, 2), 2); }

inline kglab::Hypergraph star() { return kglab::Hypergraph::from_lists(4, {{1, 4}, {2, 4}, {3, 4}}); }

inline kglab::Hypergraph edgeless(std::size_t n) { return kglab::Hypergraph(n, {}); }

// c({i,j}) = min(i, j, 3) on the canonical vertex order of the Petersen graph
inline kglab::Coloring petersen_min_coloring() {
    const auto ground = kglab::complete_uniform(5, 2);
    std::vector<int> colors;
    for (const auto& e : ground.edge_lists()) colors.push_back(std::min(e.front(), 3));
    return kglab::Coloring(colors, 3);
}

inline kglab::ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const kglab::LabError& e) {
        return e.code();
    }
    FAIL("expected a LabError");
    return kglab::ErrorCode::InvalidArgument;
}

}  // namespace support
