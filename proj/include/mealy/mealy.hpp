#pragma once

#include "mealy/automaton.hpp"
#include "mealy/builtin.hpp"
#include "mealy/counting.hpp"
#include "mealy/error.hpp"
#include "mealy/io.hpp"
#include "mealy/paradox.hpp"
#include "mealy/periodic.hpp"
#include "mealy/word.hpp"
