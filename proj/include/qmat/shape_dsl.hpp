#ifndef QMAT_SHAPE_DSL_HPP
#define QMAT_SHAPE_DSL_HPP

#include <optional>
#include <string>

#include "qmat/support.hpp"

namespace qmat::cli {

// Shape DSL accepted by the command line:
//   diag:<k>                  first k diagonal cells (needs grid dimensions)
//   straight:<l1,l2,...>      straight shape S_lambda (square grid)
//   skew:<l1,../m1,..>        skew shape S_lambda \ S_mu (square grid)
//   fano                      the 7x7 Fano-complement set
//   complement(<spec>)        grid complement of the inner spec
//   explicit:[(i,j),...]      explicit 1-indexed forbidden positions
//   graph:<a-b,c-d,...>       graph-induced set; vertex count = max index
// m/n supply the grid when the shape string does not fix it; mismatches are
// errors.  Throws ParseError with a byte offset and the expected-token set.
support::SupportSet parse_shape_spec(const std::string& text, std::optional<int> m,
                                     std::optional<int> n);

}  // namespace qmat::cli

#endif
