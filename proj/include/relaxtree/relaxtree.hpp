#pragma once

#include "relaxtree/error.hpp"
#include "relaxtree/tree.hpp"
#include "relaxtree/path.hpp"
#include "relaxtree/bijection.hpp"
#include "relaxtree/formats.hpp"
#include "relaxtree/oracle.hpp"
#include "relaxtree/exact_count.hpp"
#include "relaxtree/airy.hpp"
#include "relaxtree/asymptotics.hpp"
#include "relaxtree/bounds.hpp"
#include "relaxtree/path_ratio.hpp"
#include "relaxtree/csv.hpp"
