#pragma once
#include <vector>

namespace mge {

using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm compose(const Perm& a, const Perm& b);  // (a∘b)[i] = a[b[i]]
Perm inverse(const Perm& p);
bool is_perm(const Perm& p);
std::vector<Perm> all_perms(int n);  // lexicographic order
long long factorial(int n);
int perm_rank(const Perm& p);  // index in all_perms(n)

}  // namespace mge
