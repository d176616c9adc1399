// Explicit instantiations of the algebraic backend for both scalar types, so
// the templates compile once instead of per consumer.
#include "skewtor/lie.hpp"

namespace skewtor {

template PointData<Rat> lie_point_data<Rat>(const LieInstance<Rat>&);
template PointData<double> lie_point_data<double>(const LieInstance<double>&);
template std::string validate_lie<Rat>(const LieInstance<Rat>&);

}  // namespace skewtor
