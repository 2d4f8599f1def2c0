#pragma once

#include <string>
#include <vector>

#include "ca/errors.hpp"

namespace ca {

// A single coordinate chart; every geometric object is expressed in its frame.
class Chart {
public:
    Chart() = default;
    explicit Chart(std::vector<std::string> coord_names);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    int index_of(const std::string& name) const;  // -1 when unknown

    // Largest supported form degree on this chart.
    int degree_cap() const { return std::min(dim(), 4); }

    friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }
    friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

private:
    std::vector<std::string> names_;
};

inline void require_same_chart(const Chart& a, const Chart& b) {
    if (a != b) throw ChartMismatch();
}

}  // namespace ca
