#pragma once

// ADA glycemic categories from the fasting (t = 0) and 2 h (t = 120) values.
//
//   T2DM     fasting >= 126 mg/dl or 2 h >= 200 mg/dl
//   IFG      fasting 100-125 mg/dl
//   IGT      2 h 140-199 mg/dl
//   IFG-IGT  both impairments
//   NGT      otherwise

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ogtt/model.hpp"

namespace ogtt {

enum class Category : std::uint8_t { NGT, IFG, IGT, IFG_IGT, T2DM };

inline constexpr std::array<Category, 5> kAllCategories{Category::NGT, Category::IFG, Category::IGT,
                                                        Category::IFG_IGT, Category::T2DM};

// +1 normoglycemic, -1 dysglycemic.
enum class Glycemia : int { Normoglycemic = 1, Dysglycemic = -1 };

struct AdaLabel {
    Category category = Category::NGT;
    Glycemia binary = Glycemia::Normoglycemic;

    friend bool operator==(const AdaLabel&, const AdaLabel&) = default;
};

namespace ada {
inline constexpr double kIfgLower = 100.0;
inline constexpr double kDiabetesFasting = 126.0;
inline constexpr double kIgtLower = 140.0;
inline constexpr double kDiabetesTwoHour = 200.0;
}  // namespace ada

AdaLabel classify_ada(double fasting, double two_hour);
AdaLabel classify_record(const OgttRecord& record);

Glycemia binary_of(Category category);
inline int sign_of(Glycemia g) { return static_cast<int>(g); }

// "NGT", "IFG", "IGT", "IFG-IGT", "T2DM".
std::string_view to_string(Category category);
std::optional<Category> parse_category(std::string_view name);

// Position in the partial order NGT < {IFG, IGT} < IFG-IGT < T2DM.
int severity_rank(Category category);

}  // namespace ogtt
