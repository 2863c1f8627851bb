#pragma once

#include "essence/diagnostic.hpp"
#include "essence/dsl/export.hpp"
#include "essence/dsl/parser.hpp"
#include "essence/dsl/render.hpp"
#include "essence/lint.hpp"
#include "essence/metamodel.hpp"
#include "essence/progress.hpp"
#include "essence/togaf/corpus.hpp"
#include "essence/togaf/mapper.hpp"
#include "essence/validator.hpp"
