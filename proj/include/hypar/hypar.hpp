#pragma once

#include "hypar/core.hpp"
#include "hypar/cross.hpp"
#include "hypar/oracle.hpp"
#include "hypar/proj_c.hpp"
#include "hypar/proj_tilde.hpp"
#include "hypar/rootfind.hpp"
#include "hypar/transform.hpp"
