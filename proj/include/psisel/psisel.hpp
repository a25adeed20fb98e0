#pragma once

#include <psisel/core/cut_oracle.hpp>
#include <psisel/core/error.hpp>
#include <psisel/core/graph.hpp>
#include <psisel/core/labeling.hpp>
#include <psisel/core/node_set.hpp>
#include <psisel/core/ratio.hpp>
#include <psisel/flow/flow_network.hpp>
#include <psisel/flow/reductions.hpp>
#include <psisel/io/experiment.hpp>
#include <psisel/io/formats.hpp>
#include <psisel/io/knn.hpp>
#include <psisel/io/ratings.hpp>
#include <psisel/predict/predict.hpp>
#include <psisel/psi/enumerate.hpp>
#include <psisel/psi/psi.hpp>
#include <psisel/select/select.hpp>
