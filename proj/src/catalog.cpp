#include <array>
#include <string_view>

#include "valueplan/model.hpp"

namespace valueplan {

namespace {

// Economic value first, then the Schwartz value items grouped roughly by the
// ten basic values they belong to.
constexpr std::array<std::string_view, 58> kValueNames = {
    "Wealth",
    // Power
    "Social power", "Authority", "Preserving my public image", "Social recognition",
    // Achievement
    "Successful", "Capable", "Ambitious", "Influential", "Intelligent", "Self-respect",
    // Hedonism
    "Pleasure", "Enjoying life", "Self-indulgent",
    // Stimulation
    "Daring", "A varied life", "An exciting life",
    // Self-direction
    "Creativity", "Curious", "Freedom", "Choosing own goals", "Independent", "Privacy",
    // Universalism
    "Equality", "Unity with nature", "Wisdom", "A world of beauty", "Social justice",
    "Broad-minded", "Protecting the environment", "A world at peace", "Inner harmony",
    // Benevolence
    "Helpful", "Honest", "Forgiving", "Loyal", "Responsible", "True friendship",
    "Mature love", "A spiritual life", "Meaning in life",
    // Tradition
    "Devout", "Accepting my portion in life", "Humble", "Moderate", "Respect for tradition",
    // Conformity
    "Politeness", "Honoring of parents and elders", "Obedient", "Self-discipline",
    // Security
    "Clean", "National security", "Social order", "Family security",
    "Reciprocation of favors", "Healthy", "Sense of belonging",
};

}  // namespace

const std::vector<ValueType>& default_value_types() {
  static const std::vector<ValueType> catalog = [] {
    std::vector<ValueType> out;
    out.reserve(kValueNames.size());
    for (std::size_t k = 0; k < kValueNames.size(); ++k) {
      out.push_back({static_cast<int>(k) + 1, std::string(kValueNames[k])});
    }
    return out;
  }();
  return catalog;
}

}  // namespace valueplan
