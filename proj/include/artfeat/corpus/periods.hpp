#pragma once

#include <array>
#include <string_view>

namespace artfeat::corpus {

struct PicassoPeriod {
  int number;
  int first_year;
  int last_year;  // inclusive
  std::string_view name;
};

// Contiguous, inclusive ranges covering 1881..1973.
inline constexpr std::array<PicassoPeriod, 8> kPicassoPeriods{{
    {1, 1881, 1901, "Childhood and Youth"},
    {2, 1902, 1906, "Blue and Rose Period"},
    {3, 1907, 1915, "Analytical and Synthetic Cubism"},
    {4, 1916, 1924, "Camera and Classicism"},
    {5, 1925, 1936, "Juggler of the Form"},
    {6, 1937, 1943, "Guernica and the Style Picasso"},
    {7, 1944, 1953, "Politics and Art"},
    {8, 1954, 1973, "The Old Picasso"},
}};

// Period 1..8 for a creation year; throws OutOfRange outside [1881, 1973].
int picasso_period(int creation_year);

}  // namespace artfeat::corpus
