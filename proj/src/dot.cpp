#include "tgwa/dot.hpp"

#include <set>
#include <sstream>

namespace tgwa {

std::string emit_dot(const WeightModuleSpec& m, long window) {
    std::ostringstream os;
    os << "digraph weights {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=point, width=0.12];\n";
    auto support = m.support_window(window); // already in a stable order
    auto node_name = [](const std::array<long, 2>& s) {
        std::ostringstream n;
        n << "n_" << (s[0] < 0 ? "m" : "") << (s[0] < 0 ? -s[0] : s[0]) << "_" << (s[1] < 0 ? "m" : "")
          << (s[1] < 0 ? -s[1] : s[1]);
        return n.str();
    };
    std::map<std::array<long, 2>, bool> present;
    for (const auto& s : support) present[s] = true;
    for (const auto& s : support) {
        os << "  " << node_name(s) << " [label=\"\", tooltip=\"" << m.point_of(s).str() << "\"];\n";
    }
    // one arrow per support edge (fiber edges collapse onto the same arrow)
    for (int gen = 0; gen < 2 && gen < m.pres.n; ++gen) {
        std::set<std::pair<std::array<long, 2>, std::array<long, 2>>> seen;
        for (const auto& s : support) {
            for (long k = 0; k < m.fiber_dim; ++k) {
                auto e = m.act({true, gen}, BasisIndex{s, k});
                if (!e || e->second.is_zero()) continue;
                if (!present.count(e->first.s)) continue;
                if (!seen.insert({s, e->first.s}).second) continue;
                os << "  " << node_name(s) << " -> " << node_name(e->first.s);
                if (gen == 0) os << " [style=solid]";
                else os << " [color=\"black:invis:black\"]"; // double-styled X_2 arrows
                os << ";\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace tgwa
