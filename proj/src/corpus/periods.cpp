#include "artfeat/corpus/periods.hpp"

#include <string>

#include "artfeat/error.hpp"

namespace artfeat::corpus {

int picasso_period(int creation_year) {
  for (const auto& p : kPicassoPeriods) {
    if (creation_year >= p.first_year && creation_year <= p.last_year) return p.number;
  }
  throw OutOfRange("creation year " + std::to_string(creation_year) +
                   " outside the Picasso period range 1881-1973");
}

}  // namespace artfeat::corpus
