#ifndef QDE_QDE_HPP
#define QDE_QDE_HPP

#include "qde/classgroup.hpp"
#include "qde/error.hpp"
#include "qde/harness.hpp"
#include "qde/integer.hpp"
#include "qde/ktheory.hpp"
#include "qde/lattice.hpp"
#include "qde/order.hpp"
#include "qde/parse.hpp"
#include "qde/predict.hpp"
#include "qde/quadratic.hpp"
#include "qde/report.hpp"

#endif // QDE_QDE_HPP
