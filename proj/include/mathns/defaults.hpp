#pragma once

// Generated by tools/gen_defaults.py from data/; do not edit by hand.

#include <string_view>

namespace mathns::defaults {

inline constexpr std::string_view kStopSymbols = R"mathns(# Symbol stop list: one entry per line, case-insensitive.
# Lines starting with '#' are comments; a leading backslash escapes the first character.
# operators and functions
sin
cos
tan
cot
sec
csc
arcsin
arccos
arctan
sinh
cosh
tanh
coth
exp
log
ln
lg
lim
limsup
liminf
max
min
sup
inf
arg
argmax
argmin
det
dim
ker
deg
gcd
lcm
hom
mod
trace
tr
diag
rank
sgn
sign
erf
var
cov
span
im
re
# words used inside formulas
const
true
false
vs
iff
if
otherwise
where
else
on
of
as
is
for
and
or
to
in
at
let
then
with
# units
mol
db
mm
hz
kw
kev
mev
ev
# one-character symbols
=
+
-
~
%
?
!
\#
^
&
*
/
|
<
>
:
;
,
.
'
"
@
$
(
)
[
]
{
}
\\
_
)mathns";

inline constexpr std::string_view kStopDefinitions = R"mathns(# Definition stop list: definitions that carry no meaning on their own.
if and only if
alpha
beta
gamma
delta
element
elements
number
numbers
variable
variables
value
values
function
equation
equations
formula
term
terms
case
cases
example
way
result
expression
constant
parameter
quantity
thing
part
form
order
section
figure
following
definition
let
where
then
one
two
symbol
symbols
notation
)mathns";

inline constexpr std::string_view kLexicon = R"mathns(# word<TAB>tag, lowercase; tags: DT IN VB JJ NN NNS SYM OTHER
a	DT
an	DT
the	DT
this	DT
that	DT
these	DT
those	DT
each	DT
every	DT
any	DT
some	DT
no	DT
all	DT
both	DT
either	DT
neither	DT
another	DT
such	DT
what	DT
which	DT
whose	DT
of	IN
in	IN
on	IN
at	IN
by	IN
for	IN
with	IN
from	IN
to	IN
into	IN
onto	IN
over	IN
under	IN
about	IN
above	IN
below	IN
between	IN
among	IN
through	IN
during	IN
without	IN
within	IN
upon	IN
across	IN
along	IN
around	IN
against	IN
toward	IN
towards	IN
after	IN
before	IN
since	IN
until	IN
than	IN
as	IN
per	IN
via	IN
like	IN
near	IN
beyond	IN
behind	IN
beside	IN
besides	IN
throughout	IN
except	IN
and	IN
or	IN
but	IN
nor	IN
so	IN
yet	IN
because	IN
although	IN
though	IN
while	IN
whereas	IN
if	IN
unless	IN
whether	IN
once	IN
is	VB
are	VB
was	VB
were	VB
be	VB
been	VB
being	VB
am	VB
has	VB
have	VB
had	VB
having	VB
do	VB
does	VB
did	VB
done	VB
denote	VB
denotes	VB
denoted	VB
denoting	VB
define	VB
defines	VB
defined	VB
defining	VB
represent	VB
represents	VB
represented	VB
representing	VB
describe	VB
describes	VB
described	VB
stand	VB
stands	VB
stood	VB
let	VB
lets	VB
given	VB
give	VB
gives	VB
gave	VB
call	VB
calls	VB
called	VB
write	VB
writes	VB
written	VB
wrote	VB
equal	VB
equals	VB
equaled	VB
become	VB
becomes	VB
became	VB
remain	VB
remains	VB
hold	VB
holds	VB
held	VB
satisfy	VB
satisfies	VB
satisfied	VB
obtain	VB
obtains	VB
obtained	VB
use	VB
uses	VB
used	VB
show	VB
shows	VB
shown	VB
see	VB
seen	VB
measure	VB
measures	VB
measured	VB
relate	VB
relates	VB
related	VB
depend	VB
depends	VB
depended	VB
act	VB
acts	VB
acted	VB
apply	VB
applies	VB
applied	VB
yield	VB
yields	VB
yielded	VB
follow	VB
follows	VB
followed	VB
make	VB
makes	VB
made	VB
take	VB
takes	VB
taken	VB
can	VB
could	VB
may	VB
might	VB
must	VB
shall	VB
should	VB
will	VB
would	VB
increase	VB
increases	VB
decrease	VB
decreases	VB
vary	VB
varies	VB
varied	VB
grow	VB
grows	VB
tend	VB
tends	VB
produce	VB
produces	VB
correspond	VB
corresponds	VB
it	OTHER
its	OTHER
they	OTHER
them	OTHER
their	OTHER
we	OTHER
us	OTHER
our	OTHER
you	OTHER
your	OTHER
he	OTHER
she	OTHER
his	OTHER
her	OTHER
i	OTHER
me	OTHER
my	OTHER
one	OTHER
ones	OTHER
here	OTHER
there	OTHER
where	OTHER
when	OTHER
how	OTHER
why	OTHER
then	OTHER
thus	OTHER
hence	OTHER
therefore	OTHER
also	OTHER
not	OTHER
only	OTHER
just	OTHER
very	OTHER
more	OTHER
most	OTHER
less	OTHER
least	OTHER
much	OTHER
many	OTHER
few	OTHER
often	OTHER
always	OTHER
never	OTHER
usually	OTHER
sometimes	OTHER
again	OTHER
still	OTHER
even	OTHER
already	OTHER
well	OTHER
too	OTHER
rather	OTHER
quite	OTHER
almost	OTHER
nearly	OTHER
simply	OTHER
directly	OTHER
respectively	OTHER
similarly	OTHER
likewise	OTHER
however	OTHER
moreover	OTHER
further	OTHER
furthermore	OTHER
finally	OTHER
first	OTHER
second	OTHER
third	OTHER
e.g.	OTHER
i.e.	OTHER
etc	OTHER
force	NN
mass	NN
energy	NN
time	NN
speed	NN
light	NN
velocity	NN
acceleration	NN
momentum	NN
position	NN
distance	NN
displacement	NN
work	NN
power	NN
gravity	NN
weight	NN
friction	NN
spring	NN
length	NN
height	NN
width	NN
area	NN
density	NN
pressure	NN
temperature	NN
heat	NN
volume	NN
entropy	NN
gas	NN
amount	NN
substance	NN
capacity	NN
mean	NN
variance	NN
deviation	NN
sample	NN
size	NN
estimator	NN
estimate	NN
probability	NN
distribution	NN
parameter	NN
observation	NN
population	NN
median	NN
mode	NN
error	NN
noise	NN
data	NN
statistic	NN
test	NN
hypothesis	NN
likelihood	NN
matrix	NN
vector	NN
eigenvalue	NN
eigenvector	NN
dimension	NN
determinant	NN
identity	NN
transpose	NN
space	NN
basis	NN
scalar	NN
column	NN
row	NN
entry	NN
trace	NN
inverse	NN
kernel	NN
charge	NN
field	NN
current	NN
voltage	NN
resistance	NN
potential	NN
flux	NN
wire	NN
coil	NN
circuit	NN
resistor	NN
capacitor	NN
permittivity	NN
permeability	NN
frequency	NN
wavelength	NN
wave	NN
angle	NN
radius	NN
diameter	NN
circle	NN
point	NN
line	NN
plane	NN
curve	NN
surface	NN
set	NN
subset	NN
group	NN
ring	NN
element	NN
map	NN
family	NN
moment	NN
tickets	NN
ticket	NN
law	NN
rate	NN
change	NN
constant	NN
coefficient	NN
number	NN
value	NN
sum	NN
product	NN
integral	NN
derivative	NN
slope	NN
intercept	NN
function	NN
graph	NN
node	NN
edge	NN
tree	NN
path	NN
cost	NN
loss	NN
bias	NN
input	NN
output	NN
network	NN
system	NN
state	NN
model	NN
process	NN
step	NN
iteration	NN
algorithm	NN
solution	NN
problem	NN
equation	NN
theorem	NN
proof	NN
lemma	NN
axiom	NN
logic	NN
proposition	NN
formula	NN
symbol	NN
variable	NN
index	NN
minute	NN
hour	NN
metre	NN
meter	NN
kilogram	NN
object	NN
body	NN
particle	NN
planet	NN
earth	NN
sun	NN
orbit	NN
axis	NN
torque	NN
inertia	NN
amplitude	NN
phase	NN
period	NN
oscillator	NN
pendulum	NN
gravitation	NN
magnet	NN
conductor	NN
insulator	NN
electron	NN
proton	NN
atom	NN
molecule	NN
mole	NN
chamber	NN
piston	NN
engine	NN
cycle	NN
reservoir	NN
boundary	NN
surroundings	NN
universe	NN
kelvin	NN
celsius	NN
joule	NN
watt	NN
volt	NN
ampere	NN
ohm	NN
coulomb	NN
tesla	NN
farad	NN
henry	NN
newton	NN
pascal	NN
degree	NN
quantity	NN
order	NN
norm	NN
magnitude	NN
direction	NN
component	NN
coordinate	NN
origin	NN
operator	NN
span	NN
rank	NN
null	NN
nullity	NN
shift	NN
people	NNS
small	JJ
large	JJ
big	JJ
total	JJ
linear	JJ
random	JJ
standard	JJ
true	JJ
false	JJ
normal	JJ
positive	JJ
negative	JJ
zero	JJ
real	JJ
complex	JJ
initial	JJ
final	JJ
average	JJ
free	JJ
open	JJ
closed	JJ
square	JJ
orthogonal	JJ
symmetric	JJ
diagonal	JJ
invertible	JJ
singular	JJ
unit	JJ
kinetic	JJ
electric	JJ
magnetic	JJ
thermal	JJ
internal	JJ
external	JJ
specific	JJ
ideal	JJ
net	JJ
new	JJ
old	JJ
same	JJ
different	JJ
other	JJ
various	JJ
whole	JJ
full	JJ
empty	JJ
high	JJ
low	JJ
long	JJ
short	JJ
wide	JJ
narrow	JJ
fast	JJ
slow	JJ
hot	JJ
cold	JJ
dense	JJ
sparse	JJ
simple	JJ
main	JJ
major	JJ
minor	JJ
prime	JJ
odd	JJ
best	JJ
good	JJ
general	JJ
local	JJ
global	JJ
absolute	JJ
relative	JJ
mutual	JJ
upper	JJ
lower	JJ
inner	JJ
outer	JJ
left	JJ
right	JJ
arbitrary	JJ
fixed	JJ
unknown	JJ
known	JJ
independent	JJ
dependent	JJ
sufficient	JJ
necessary	JJ
unbiased	JJ
biased	JJ
measurable	JJ
conditional	JJ
marginal	JJ
joint	JJ
empirical	JJ
discrete	JJ
continuous	JJ
uniform	JJ
binomial	JJ
gaussian	JJ
central	JJ
spherical	JJ
gravitational	JJ
)mathns";

inline constexpr std::string_view kSuffixRules = R"mathns(# suffix<TAB>tag, applied longest suffix first
tions	NNS
sions	NNS
ities	NNS
ments	NNS
ances	NNS
ences	NNS
isms	NNS
ists	NNS
ers	NNS
ors	NNS
ures	NNS
tion	NN
sion	NN
ness	NN
ity	NN
ment	NN
ance	NN
ence	NN
ism	NN
ist	NN
ogy	NN
ics	NN
ship	NN
hood	NN
ure	NN
er	NN
or	NN
ss	NN
us	NN
is	NN
ous	JJ
al	JJ
ive	JJ
ic	JJ
ful	JJ
less	JJ
able	JJ
ible	JJ
ary	JJ
ar	JJ
ian	JJ
izes	VB
ises	VB
ed	VB
ly	OTHER
s	NNS
)mathns";

}  // namespace mathns::defaults
