#ifndef TSGEVAL_TSGEVAL_HPP_
#define TSGEVAL_TSGEVAL_HPP_

#include "tsgeval/classifier.hpp"
#include "tsgeval/dataset.hpp"
#include "tsgeval/error.hpp"
#include "tsgeval/harness.hpp"
#include "tsgeval/linalg.hpp"
#include "tsgeval/metrics.hpp"
#include "tsgeval/perturb.hpp"
#include "tsgeval/random.hpp"
#include "tsgeval/text.hpp"

#endif  // TSGEVAL_TSGEVAL_HPP_
