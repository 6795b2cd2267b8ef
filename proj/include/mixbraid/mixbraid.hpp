#pragma once

#include "geometry.hpp"
#include "intlinalg.hpp"
#include "kernel_action.hpp"
#include "presentations.hpp"
#include "section_solver.hpp"
#include "words.hpp"
