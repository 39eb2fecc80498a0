# coding: utf-8

# # Intervals, dominance and the gH-difference
#
# A quick tour of the arithmetic the optimizer is built on.

# In[1]:

from ghopt import Interval, compare, gh_difference
from ghopt.interval import mul, sub


# Moore subtraction widens: `A - A` is not zero. The gH-difference is.

# In[2]:

a = Interval(-1.0, 2.0)
print("A - A     =", sub(a, a))
print("A -gH A   =", gh_difference(a, a))


# The self-product ignores that both factors are the same number, so it
# dips below zero whenever the interval straddles the origin.

# In[3]:

print("A * A     =", mul(a, a))


# Intervals are only partially ordered. Smaller is better at both ends.

# In[4]:

for other in (Interval(5, 7), Interval(2, 10), Interval(4, 6)):
    print(Interval(4, 6), "vs", other, "->", compare(Interval(4, 6), other).value)


# A dominates B exactly when their gH-difference sits at or below zero.

# In[5]:

x, y = Interval(1, 3), Interval(2, 5)
print(gh_difference(x, y), compare(x, y).value)
