#pragma once

#include <addcomb/error.hpp>
#include <addcomb/group.hpp>
#include <addcomb/group_set.hpp>
#include <addcomb/subgroup.hpp>
#include <addcomb/setops.hpp>
#include <addcomb/verdict.hpp>
#include <addcomb/isoperimetry.hpp>
#include <addcomb/structure.hpp>
#include <addcomb/verify.hpp>
