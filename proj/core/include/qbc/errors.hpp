#pragma once

#include <stdexcept>
#include <string>

namespace qbc {

// Input data or run configuration the toolkit cannot proceed with (malformed
// corpus/lexicon files, inconsistent annotations, inadequate initial training).
// The CLI maps this to its data-format exit code.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qbc
