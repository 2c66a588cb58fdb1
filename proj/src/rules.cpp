#include "cdag/rules.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace cdag {

void validateQuery(const CDag& c, const RuleQuery& q) {
    struct Named {
        const ClusterSet* set;
        const char* role;
    };
    const std::array<Named, 6> sets = {{{&q.w, "w"},
                                        {&q.x, "x"},
                                        {&q.y, "y"},
                                        {&q.z, "z"},
                                        {&q.over, "over"},
                                        {&q.under, "under"}}};
    for (const Named& s : sets)
        for (const std::string& name : *s.set)
            if (!c.hasCluster(name))
                throw std::invalid_argument("unknown cluster " + name + " in set " +
                                            s.role);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (const std::string& name : *sets[i].set)
                if (sets[j].set->count(name))
                    throw std::invalid_argument("cluster " + name + " appears in sets " +
                                                sets[i].role + " and " + sets[j].role);
    if (q.rule == Rule::Separation) {
        if (!q.w.empty())
            throw std::invalid_argument("separation queries take no w set");
    } else if (!q.over.empty() || !q.under.empty()) {
        throw std::invalid_argument("mutilation sets apply to separation queries only");
    }
}

}  // namespace cdag
