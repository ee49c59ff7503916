#include "artfeat/corpus/record.hpp"

#include <cctype>

namespace artfeat::corpus {

std::string canonical_category(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == '\'' || c == '`') continue;
    // U+2019 RIGHT SINGLE QUOTATION MARK, as typed in "Christie’s".
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      i += 2;
      continue;
    }
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

Painter Painter::parse(std::string_view text) {
  std::string key = canonical_category(text);
  if (key == "picasso" || key == "pablo picasso") return {Kind::Picasso, "picasso"};
  if (key == "renoir" || key == "pierre-auguste renoir") return {Kind::Renoir, "renoir"};
  if (key == "qi" || key == "baishi qi" || key == "qi baishi") return {Kind::Qi, "qi"};
  return {Kind::Other, key.empty() ? std::string("other") : std::move(key)};
}

const features::FeatureVector* Corpus::features_for(const std::string& id) const {
  const auto it = features.find(id);
  return it == features.end() ? nullptr : &it->second;
}

}  // namespace artfeat::corpus
