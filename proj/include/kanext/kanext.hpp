#pragma once

#include <kanext/comma.hpp>
#include <kanext/constructions.hpp>
#include <kanext/error.hpp>
#include <kanext/fin_target.hpp>
#include <kanext/fincat.hpp>
#include <kanext/finset.hpp>
#include <kanext/kan.hpp>
#include <kanext/labels.hpp>
