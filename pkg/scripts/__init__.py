# Maintenance scripts for verification reports
