#pragma once

#include <kanext/constructions/adjunction.hpp>
#include <kanext/constructions/codensity.hpp>
#include <kanext/constructions/density.hpp>
#include <kanext/constructions/nerve.hpp>
#include <kanext/constructions/order.hpp>
#include <kanext/constructions/representable.hpp>
#include <kanext/constructions/yoneda.hpp>
