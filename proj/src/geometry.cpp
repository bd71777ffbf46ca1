#include "hullkit/types.hpp"

#include <sstream>

namespace hullkit {

std::vector<Violation> validate(const PolyLink& link, const Tolerance& tol) {
  std::vector<Violation> out;
  if (link.loops.empty()) {
    out.push_back({Violation::Kind::empty_link, -1, "link has no loops"});
    return out;
  }
  for (int li = 0; li < link.loop_count(); ++li) {
    const PolyLoop& loop = link.loops[li];
    bool finite = true;
    for (int i = 0; i < loop.size(); ++i) {
      if (!loop.vertices[i].allFinite()) {
        std::ostringstream msg;
        msg << "loop " << li << " vertex " << i << " has non-finite coordinates";
        out.push_back({Violation::Kind::nonfinite, li, msg.str()});
        finite = false;
      }
    }
    if (loop.size() < 3) {
      std::ostringstream msg;
      msg << "loop " << li << " has " << loop.size() << " vertices (minimum 3)";
      out.push_back({Violation::Kind::too_few_vertices, li, msg.str()});
      continue;
    }
    if (!finite) continue;
    for (int i = 0; i < loop.size(); ++i) {
      if (loop.edge_length(i) <= tol.eps_abs) {
        std::ostringstream msg;
        msg << "loop " << li << " vertices " << i << " and " << loop.mod(i + 1)
            << " coincide within tolerance";
        out.push_back({Violation::Kind::duplicate_vertex, li, msg.str()});
      }
    }
  }
  return out;
}

}  // namespace hullkit
