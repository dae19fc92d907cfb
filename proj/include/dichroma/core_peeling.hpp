#pragma once

#include "dichroma/digraph.hpp"

namespace dichroma {

enum class PeelOrder { ascending, descending };

/// The (2,2)-core: the unique maximal S such that every vertex of D[S] has
/// in-degree >= 2 and out-degree >= 2 inside D[S]. Computed by queue-based
/// peeling; the result does not depend on `order`.
VertexSet two_two_core(const Digraph& d, PeelOrder order = PeelOrder::ascending);

}  // namespace dichroma
