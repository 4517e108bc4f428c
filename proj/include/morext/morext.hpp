#pragma once

#include "morext/field.hpp"
#include "morext/matrix.hpp"
#include "morext/linalg.hpp"
#include "morext/algebra.hpp"
#include "morext/module.hpp"
#include "morext/extension.hpp"
#include "morext/derivation.hpp"
#include "morext/certificate.hpp"
#include "morext/classes.hpp"
#include "morext/progenerator.hpp"
#include "morext/morita.hpp"
#include "morext/invariance.hpp"
#include "morext/catalog.hpp"
#include "morext/serialize.hpp"
#include "morext/report.hpp"
