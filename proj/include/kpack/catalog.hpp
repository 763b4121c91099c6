#pragma once

// Seed complexes X7, X8, X9 and X12: primitive extremal complexes for
// (k, g) = (6, 3), (3, 3), (2, 3) and (1, 3). The same texts ship as
// catalog/*.cmplx files.

#include <map>
#include <string>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"

namespace kpack {

inline const std::map<std::string, std::string>& catalog_texts() {
  static const std::map<std::string, std::string> texts = {
      {"X12",
       "# kpack complex v1\n"
       "name X12\n"
       "polygon 1 -1 2 3 4 -3 5 6 -6 5 -4 2\n"},
      {"X7",
       "# kpack complex v1\n"
       "name X7\n"
       "polygon 1 -1 2 3 4 5 2\n"
       "polygon 3 5 6 7 8 9 10\n"
       "polygon 4 10 11 12 13 14 6\n"
       "polygon 7 14 15 -9 -11 16 17\n"
       "polygon 8 17 18 19 20 -13 -15\n"
       "polygon 12 -16 -18 21 19 -21 -20\n"},
      {"X8",
       "# kpack complex v1\n"
       "name X8\n"
       "polygon 1 -1 2 3 4 5 6 2\n"
       "polygon 3 6 7 8 9 10 8 11\n"
       "polygon 4 11 7 5 12 9 10 12\n"},
      {"X9",
       "# kpack complex v1\n"
       "name X9\n"
       "polygon 1 -1 2 3 4 5 6 7 2\n"
       "polygon 3 7 8 -4 9 5 -9 -6 -8\n"},
  };
  return texts;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : catalog_texts()) out.push_back(name);
  return out;
}

inline PolygonComplex catalog_complex(const std::string& name) {
  const auto& texts = catalog_texts();
  const auto it = texts.find(name);
  if (it == texts.end()) throw DomainError("no catalog complex named '" + name + "'");
  return parse(it->second);
}

}  // namespace kpack
