#include "ogtt/ada.hpp"

#include <cmath>

#include "ogtt/errors.hpp"

namespace ogtt {

// The 125 and 199 mg/dl upper ends are read as "below the diabetes
// threshold", so non-integer inputs such as 125.5 stay impaired rather than
// falling into a gap.
AdaLabel classify_ada(double fasting, double two_hour) {
    if (!std::isfinite(fasting) || !std::isfinite(two_hour) || fasting <= 0.0 || two_hour <= 0.0) {
        throw InputError("ADA classification needs positive finite glucose values");
    }
    Category category = Category::NGT;
    if (fasting >= ada::kDiabetesFasting || two_hour >= ada::kDiabetesTwoHour) {
        category = Category::T2DM;
    } else {
        const bool ifg = fasting >= ada::kIfgLower;
        const bool igt = two_hour >= ada::kIgtLower;
        if (ifg && igt) category = Category::IFG_IGT;
        else if (ifg) category = Category::IFG;
        else if (igt) category = Category::IGT;
    }
    return {category, binary_of(category)};
}

AdaLabel classify_record(const OgttRecord& record) {
    validate(record);
    return classify_ada(record.fasting(), record.two_hour());
}

Glycemia binary_of(Category category) {
    return category == Category::NGT ? Glycemia::Normoglycemic : Glycemia::Dysglycemic;
}

std::string_view to_string(Category category) {
    switch (category) {
        case Category::NGT: return "NGT";
        case Category::IFG: return "IFG";
        case Category::IGT: return "IGT";
        case Category::IFG_IGT: return "IFG-IGT";
        case Category::T2DM: return "T2DM";
    }
    return "?";
}

std::optional<Category> parse_category(std::string_view name) {
    for (Category c : kAllCategories) {
        if (to_string(c) == name) return c;
    }
    return std::nullopt;
}

int severity_rank(Category category) {
    switch (category) {
        case Category::NGT: return 0;
        case Category::IFG:
        case Category::IGT: return 1;
        case Category::IFG_IGT: return 2;
        case Category::T2DM: return 3;
    }
    return -1;
}

}  // namespace ogtt
