#pragma once

#include "entex/delaf.hpp"
#include "entex/errors.hpp"
#include "entex/grammar.hpp"
#include "entex/lexicon.hpp"
#include "entex/matcher.hpp"
#include "entex/output.hpp"
#include "entex/pipeline.hpp"
#include "entex/runner.hpp"
#include "entex/taxonomy.hpp"
#include "entex/token.hpp"
#include "entex/unicode.hpp"
