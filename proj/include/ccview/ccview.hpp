#pragma once

#include "ccview/model.hpp"
#include "ccview/match.hpp"
#include "ccview/reason.hpp"
#include "ccview/checks.hpp"
#include "ccview/witness.hpp"
#include "ccview/verify.hpp"
#include "ccview/textual.hpp"
#include "ccview/generate.hpp"
#include "ccview/bench.hpp"
